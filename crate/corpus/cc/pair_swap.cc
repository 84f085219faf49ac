(lam (A *) (lam (B *)
  (lam (p (Sigma (a A) B))
    (pair (snd p) (fst p) (Sigma (b B) A)))))
