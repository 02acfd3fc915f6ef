# verdex: exact computations in non-Archimedean vertex algebras.
