class DocsimError(Exception):
    """Společný předek všech chyb balíku."""


class CorpusError(DocsimError):
    pass


class EmptyVocabularyError(DocsimError):
    pass


class DimensionMismatchError(DocsimError, ValueError):
    def __init__(self, left: int, right: int):
        super().__init__(f"Nesouhlasí dimenze vektorů: {left} != {right}")
        self.left = left
        self.right = right


class CaseBaseError(DocsimError):
    pass


class ConfigError(DocsimError):
    pass


class StorageError(DocsimError):
    pass
