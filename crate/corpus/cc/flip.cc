(lam (A *) (lam (B *) (lam (C *)
  (lam (f (Pi (a A) (Pi (b B) C)))
    (lam (b B) (lam (a A) (app f a b)))))))
