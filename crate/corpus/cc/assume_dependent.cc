(assume A *)
(assume P (Pi (x A) *))
(assume a A)
(assume p (app P a))
(main (lam (z Bool) (pair a p (Sigma (x A) (app P x)))))
