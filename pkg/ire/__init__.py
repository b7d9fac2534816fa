"""ire - Interval rearrangement ensembles: schemes, induction, Rauzy classes and surfaces.

An interval rearrangement ensemble (IRE) pairs a scheme, a permutation of
the doubled alphabet ``{a.b, a.e, ...}``, with rational endpoints. Interval
exchanges are the untwisted case; twisted cycles glue into branched trees.

Core Dependencies:
- 🕸️ networkx: Vertex classes of glued surfaces and Rauzy class graphs
- 🔣 sympy: Exact rational row reduction and null spaces
- 🎲 numpy: Seeded random generators for sampling and induction runs
- 📊 tqdm: Progress tracking for class enumeration and verification
- 🖨️ reportlab: SVG and PDF nets of zippered surfaces

Main Features:
1. Schemes: cycles, turns, twists, irreducible components, duality and genus
2. Real data: endpoint and length spaces with exact bases
3. Induction: the four elementary steps on schemes, endpoints and lengths,
   their inverses, and positivity-preserving runs
4. Rauzy classes: deterministic breadth-first enumeration with JSON and DOT export
5. Natural extensions: paired dual IREs with invariant area
6. Surfaces: branched-tree gluing, zippered rectangles, cone points and genus
7. Verification: exhaustive and random checks run in a process pool

Usage Examples:
    Library:
        >>> from ire.converters import parse_scheme_text
        >>> from ire.analysis import analyze
        >>> analyze(parse_scheme_text("(a.b b.b g.b d.b a.e b.e g.e d.e)")).genus
        2

    Command line:
        $ ire analyze "(a.b b.b g.b d.b a.e b.e g.e d.e)"
        $ ire induct "(a.b b.b a.e b.e)" --lengths "a=2 b=3" --step rb:b,a
        $ ire example --json > worked.json && ire surface worked.json \\
              --branch-rule explicit --dual-branch-coordinates 15/2,11 --svg net.svg
"""

__version__ = "0.1.0"
