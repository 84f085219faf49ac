(def F (lam (b Bool) (if b Bool (Pi (x Bool) Bool))) (Pi (b Bool) *))
(def q (pair false (lam (x Bool) x) (Sigma (b Bool) (app F b))) (Sigma (b Bool) (app F b)))
(main (app (snd q) true))
