(def T (lam (b Bool) (if b Bool (Sigma (x Bool) Bool))) (Pi (b Bool) *))
(def make (lam (b Bool) (if b (lam (v Bool) true) (lam (v Bool) true))) (Pi (b Bool) (Pi (v Bool) Bool)))
(main (lam (b Bool) (app make b b)))
