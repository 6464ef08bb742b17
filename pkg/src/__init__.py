# ncrank-certify: certified non-commutative rank
