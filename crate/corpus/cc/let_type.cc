; A let-bound type used as an annotation.
(let (T Bool *) (lam (x T) x))
