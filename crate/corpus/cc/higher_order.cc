(def twice
  (lam (A *) (lam (f (Pi (x A) A)) (lam (x A) (app f (app f x)))))
  (Pi (A *) (Pi (f (Pi (x A) A)) (Pi (x A) A))))
(def not (lam (b Bool) (if b false true)) (Pi (b Bool) Bool))
(main (app twice Bool not false))
