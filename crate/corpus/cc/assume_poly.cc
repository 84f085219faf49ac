(assume A *)
(assume a A)
(assume g (Pi (x A) A))
(main (lam (y A) (app g (app g y))))
