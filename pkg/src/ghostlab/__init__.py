"""Ghost automorphisms and singularities of level curves, computed from dual graphs."""
