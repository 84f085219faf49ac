(bind A (Pi (x Bool) Bool))
(bind a (lam (x Bool) x))
(bind test (lam (f (Pi (x Bool) Bool)) (app f false)))
