"""Function words as interfaces, content words as their implementations."""

from .composer import Token, TypedObject
from .lexicon import Lexicon, OutputType, load_bundled, load_lexicon, validate_lexicon
from .parser import facilitation_metric, parse, parse_text, tokenize
from .typecore import cast, implements

__version__ = "0.1.0"
