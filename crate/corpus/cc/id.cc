; The polymorphic identity function.
(lam (A *) (lam (x A) x))
