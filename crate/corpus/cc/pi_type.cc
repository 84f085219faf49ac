; A type, not a term: its type is *.
(Pi (A *) (Pi (x A) A))
