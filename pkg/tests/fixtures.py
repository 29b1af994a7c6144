"""Frozen fixture configurations shared by the unit and acceptance suites."""

# every built-in family over Q, Q(zeta_l) for l in {2,3,4}, and F_p for p in {3,5,7}
AXIOM_FAMILIES = [
    "swap", "swap:ell=3", "swap:p=5",
    "quantum:q=2", "quantum:ell=2", "quantum:ell=3", "quantum:ell=4",
    "quantum:p=3,ell=2", "quantum:p=5,ell=4", "quantum:p=7,ell=3",
    "qweyl:q=2", "qweyl:ell=2", "qweyl:ell=3", "qweyl:ell=4",
    "qweyl:p=3,ell=2", "qweyl:p=5,ell=4", "qweyl:p=7,ell=3",
    "jordan:char0", "jordan:ell=3", "jordan:p=3", "jordan:p=5", "jordan:p=7",
    "weyl:char0", "weyl:ell=4", "weyl:p=3", "weyl:p=5", "weyl:p=7",
    "ore:u=2,delta=0", "ore:u=1,delta=1", "ore:u=2,delta=1",
    "ore:ell=3,u=z,v=1,delta=0;1", "ore:p=5,u=2,v=1,delta=1;3", "ore:p=7,u=3,delta=0;0;1",
]

# theta(x) = qx, delta = 0 / theta = id, delta(x) = 1 / theta(x) = qx, delta(x) = 1
ORE_WORD_FAMILIES = ["ore:u=2,delta=0", "ore:u=1,delta=1", "ore:u=2,delta=1",
                     "ore:ell=3,u=z,delta=0", "ore:ell=3,u=z,delta=1", "ore:p=5,u=2,delta=1"]

# (family, period) pairs where x^period and y^period are central
REDUCED_CASES = [
    ("quantum:ell=2", 2), ("quantum:ell=3", 3), ("quantum:ell=4", 4),
    ("qweyl:ell=2", 2), ("qweyl:ell=3", 3), ("qweyl:ell=4", 4),
    ("jordan:p=3", 3), ("jordan:p=5", 5), ("weyl:p=3", 3), ("weyl:p=5", 5),
]

# (family, P, Q, expect_stable); the (x^p - x, y^p) rows are not tau-stable
DUALITY_MATRIX = [
    ("quantum:q=-1", "x^2", "y^2", True),
    ("quantum:q=-1", "x^2-1", "y^2-1", True),
    ("quantum:q=-1", "x^4", "y^4", True),
    ("quantum:ell=3", "x^3", "y^3", True),
    ("qweyl:ell=2", "x^2", "y^2", True),
    ("qweyl:ell=3", "x^3", "y^3", True),
    ("jordan:p=3", "x^3", "y^3", True),
    ("jordan:p=5", "x^5", "y^5", True),
    ("weyl:p=3", "x^3", "y^3", True),
    ("weyl:p=5", "x^5", "y^5", True),
    ("jordan:p=3", "x^3-x", "y^3", False),
    ("jordan:p=5", "x^5-x", "y^5", False),
    ("weyl:p=3", "x^3-x", "y^3", False),
    ("weyl:p=5", "x^5-x", "y^5", False),
]
