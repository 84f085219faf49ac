(def CBool (Pi (A *) (Pi (t A) (Pi (f A) A))) *)
(def ctrue (lam (A *) (lam (t A) (lam (f A) t))) CBool)
(def cfalse (lam (A *) (lam (t A) (lam (f A) f))) CBool)
(def cnot (lam (b CBool) (lam (A *) (lam (t A) (lam (f A) (app b A f t))))) (Pi (b CBool) CBool))
(main (app (app cnot ctrue) Bool true false))
