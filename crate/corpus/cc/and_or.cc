(def and (lam (a Bool) (lam (b Bool) (if a b false))) (Pi (a Bool) (Pi (b Bool) Bool)))
(def or (lam (a Bool) (lam (b Bool) (if a true b))) (Pi (a Bool) (Pi (b Bool) Bool)))
(main (app or (app and true false) (app and true true)))
