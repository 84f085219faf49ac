(let (x true Bool) (if x false true))
