; The closure for the inner lambda captures the type variable A.
(lam (A *) (lam (f (Pi (x A) A)) (lam (x A) (app f (app f x)))))
