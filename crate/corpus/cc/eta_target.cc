(assume f (Pi (x Bool) Bool))
(main (lam (y Bool) (app f y)))
