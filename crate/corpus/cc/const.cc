; K combinator at two type parameters.
(lam (A *) (lam (B *) (lam (x A) (lam (y B) x))))
