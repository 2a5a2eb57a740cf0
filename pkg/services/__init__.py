"""Mathematics behind derhall: coefficient rings, representations, Hall algebras and identity suites."""
