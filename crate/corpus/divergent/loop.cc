; Ill-typed self-application: normalizing it never terminates.
(app (lam (x Bool) (app x x)) (lam (x Bool) (app x x)))
