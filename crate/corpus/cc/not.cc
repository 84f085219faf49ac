(def not (lam (b Bool) (if b false true)) (Pi (b Bool) Bool))
(main (app not (app not false)))
