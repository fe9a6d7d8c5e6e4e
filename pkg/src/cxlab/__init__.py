"""cxlab: exact homological-complexity computations for graded Artinian
algebras over prime fields.

Layers, bottom up: exactla (dense F_p linear algebra), gralg (graded
algebras with degreewise normal forms), gmod (graded modules), resol
(minimal free resolutions and complexity estimates), yoneda (Ext/Tor,
pushout extensions, reduction of complexity), cioper (degree-two cohomology
operators over monomial complete intersections), cxcli (scenario files and
the ``cxlab`` command).
"""

__version__ = "0.1.0"
