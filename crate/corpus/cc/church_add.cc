(def Nat (Pi (A *) (Pi (s (Pi (a A) A)) (Pi (z A) A))) *)
(def one (lam (A *) (lam (s (Pi (a A) A)) (lam (z A) (app s z)))) Nat)
(def add
  (lam (m Nat) (lam (n Nat) (lam (A *) (lam (s (Pi (a A) A)) (lam (z A) (app m A s (app n A s z)))))))
  (Pi (m Nat) (Pi (n Nat) Nat)))
(def even (lam (n Nat) (app n Bool (lam (b Bool) (if b false true)) true)) (Pi (n Nat) Bool))
(main (app even (app add one one)))
