(lam (A *) (lam (a A)
  (let (f (lam (y A) a) (Pi (y A) A)) (app f a))))
