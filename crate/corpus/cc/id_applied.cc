(def id (lam (A *) (lam (x A) x)) (Pi (A *) (Pi (x A) A)))
(main (app id Bool true))
