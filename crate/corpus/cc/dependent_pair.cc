; A boolean paired with a value whose type depends on it.
(def F (lam (b Bool) (if b Bool (Pi (x Bool) Bool))) (Pi (b Bool) *))
(def p (pair true false (Sigma (b Bool) (app F b))) (Sigma (b Bool) (app F b)))
(main (snd p))
