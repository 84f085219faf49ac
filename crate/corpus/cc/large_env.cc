(assume A *)
(assume B *)
(assume a A)
(assume b B)
(assume f (Pi (x A) (Pi (y B) Bool)))
(def c true Bool)
(main (lam (z Bool) (if z (app f a b) c)))
