(Pi (A *) A)
