"""Link groups, homology and twisted Alexander polynomials of arrow diagrams in Seifert fibered spaces."""

from .diagram import ArrowDiagram, SeifertData, load_diagram, parse_diagram, serialize, validate
from .grouppres import GroupPresentation, build_presentation, seifert_group
from .homology import h1, homology_class
from .twisted import twisted_alexander

__all__ = ["ArrowDiagram", "SeifertData", "load_diagram", "parse_diagram", "serialize", "validate",
           "GroupPresentation", "build_presentation", "seifert_group", "h1", "homology_class",
           "twisted_alexander"]
