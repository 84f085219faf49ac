(def mkpair
  (lam (A *) (lam (B *) (lam (a A) (lam (b B) (pair a b (Sigma (x A) B))))))
  (Pi (A *) (Pi (B *) (Pi (a A) (Pi (b B) (Sigma (x A) B))))))
(main (snd (app mkpair Bool Bool true false)))
