(lam (p (Sigma (x Bool) Bool)) (if (fst p) (snd p) (fst p)))
