; Self-application of the polymorphic identity, typable thanks to impredicativity.
(def id (lam (A *) (lam (x A) x)) (Pi (A *) (Pi (x A) A)))
(main (app id (Pi (A *) (Pi (x A) A)) id))
