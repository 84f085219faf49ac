; The annotation is a type-level redex.
(lam (x (app (lam (X *) X) Bool)) (if x false true))
