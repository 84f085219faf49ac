(def compose
  (lam (A *) (lam (B *) (lam (C *)
    (lam (g (Pi (b B) C)) (lam (f (Pi (a A) B)) (lam (x A) (app g (app f x))))))))
  (Pi (A *) (Pi (B *) (Pi (C *) (Pi (g (Pi (b B) C)) (Pi (f (Pi (a A) B)) (Pi (x A) C)))))))
(def not (lam (b Bool) (if b false true)) (Pi (b Bool) Bool))
(main (app compose Bool Bool Bool not not true))
