"""Exception hierarchy shared by all modules."""


class LemmapatError(Exception):
    """Base class for every error raised by this package."""


class ConlluParseError(LemmapatError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConlluStructureError(ConlluParseError):
    """Token ids are duplicated or not consecutive."""


class DegenerateLemmaError(LemmapatError):
    def __init__(self, lemma, location=None):
        self.lemma = lemma
        self.location = location
        where = f" at {location}" if location else ""
        super().__init__(f"stripping symbols empties lemma {lemma!r}{where}")


class RuleCodecError(LemmapatError):
    def __init__(self, message, text, offset):
        self.text = text
        self.offset = offset  # byte offset into the UTF-8 encoding of text
        super().__init__(f"{message} at byte {offset} in {text!r}")


class RuleApplicationError(LemmapatError):
    def __init__(self, rule, form, part, op_index):
        self.rule = rule
        self.form = form
        self.part = part
        self.op_index = op_index
        super().__init__(
            f"rule {rule} is not applicable to {form!r}: "
            f"{part} script runs out of characters at op {op_index}"
        )


class InductionError(LemmapatError):
    pass


class AlignmentError(LemmapatError):
    pass


class ModelFormatError(LemmapatError):
    pass
