; A package hiding its carrier type.
(def pkg (pair Bool true (Sigma (X *) X)) (Sigma (X *) X))
(main (fst pkg))
