(def Nat (Pi (A *) (Pi (s (Pi (a A) A)) (Pi (z A) A))) *)
(def zero (lam (A *) (lam (s (Pi (a A) A)) (lam (z A) z))) Nat)
(def succ
  (lam (n Nat) (lam (A *) (lam (s (Pi (a A) A)) (lam (z A) (app s (app n A s z))))))
  (Pi (n Nat) Nat))
(def two (app succ (app succ zero)) Nat)
(main (app two Bool (lam (b Bool) (if b false true)) true))
