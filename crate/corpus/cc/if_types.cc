(lam (b Bool) (lam (x (if b Bool (Pi (y Bool) Bool))) b))
