; The inner function captures both outer arguments.
(lam (a Bool) (lam (b Bool) (lam (c Bool) (if a b c))))
