"""Exception taxonomy shared across the pipeline.

Data problems (bad files, OOV words) raise DataError subclasses so the CLI
can map them to exit code 2; misconfiguration raises ConfigError (exit 1).
"""


class ChronoEmbedError(Exception):
    pass


class ConfigError(ChronoEmbedError):
    """Invalid configuration supplied by the caller (usage error)."""


class DataError(ChronoEmbedError):
    """Problem with input data or stored artifacts."""


class OOVError(DataError):
    """A queried word is absent from a model's vocabulary."""

    def __init__(self, word: str, bin_index: int | None = None):
        self.word = word
        self.bin_index = bin_index
        where = f" in bin {bin_index}" if bin_index is not None else ""
        super().__init__(f"word {word!r} not in vocabulary{where}")


class ModelFormatError(DataError):
    """Corrupt or unreadable model file (bad magic, checksum, truncation)."""


class DegenerateInputError(DataError):
    """An operation received input on which its result is undefined,
    e.g. a zero-norm second-order vector."""


class PairSkip(ChronoEmbedError):
    """Signal: an antonym pair cannot produce an axis in this model.

    Not a failure of the stream; mean-bias catches it, skips the pair and
    reports it in the usable-pair count.
    """

    def __init__(self, reason: str, word: str | None = None):
        self.reason = reason
        self.word = word
        super().__init__(reason)


class NoUsableAxisError(DataError):
    """Every pair of a stream was skipped; no bias can be computed."""
