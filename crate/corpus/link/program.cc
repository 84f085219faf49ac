; A component with three imports, closed by bindings.cc.
(assume A *)
(assume a A)
(assume test (Pi (x A) Bool))
(def not (lam (b Bool) (if b false true)) (Pi (b Bool) Bool))
(main (app not (app test a)))
