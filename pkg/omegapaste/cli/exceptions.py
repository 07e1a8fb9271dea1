from schemes.exceptions import OmegaError


class ParseError(OmegaError):
    """
    Text that does not follow one of the input grammars.

    Attributes:
        line, column (int):
            1-based position of the offending token.
    """

    def __init__(self, message="", line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")
