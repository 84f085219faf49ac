(def Pow (lam (b Bool) (if b (Pi (x Bool) Bool) Bool)) (Pi (b Bool) *))
(def pick (lam (b Bool) (lam (x (app Pow b)) b)) (Pi (b Bool) (Pi (x (app Pow b)) Bool)))
(main (app pick true (lam (y Bool) y)))
