; A kind: (Pi (x Bool) *) has type [].
(Pi (x Bool) *)
