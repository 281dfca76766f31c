# vaporpair package
