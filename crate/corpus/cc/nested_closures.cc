(lam (a Bool) (lam (b Bool) (lam (c Bool) (lam (d Bool) (if a (if b c d) (if c d b))))))
