# Tests package for ncrank-certify
