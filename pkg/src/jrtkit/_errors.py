from typing import Any, Optional

class ParameterError(ValueError):
    '''A parameter lies outside the range an operation supports.'''

class NonUniformError(ValueError):
    '''A hypergraph is not uniform of the required edge size.'''

class SupportTooLargeError(ValueError):
    '''The saturation universe exceeds the configured support cap.'''

    def __init__(self, support: int, cap: int) -> None:
        super().__init__(f'support of {support} vertices exceeds cap {cap}')
        self.support = support
        self.cap = cap

class DivisibilityError(ValueError):
    '''An input pair of set systems is not q-divisible.'''

    def __init__(self, q: int, witness: Any) -> None:
        super().__init__(f'pair is not {q}-divisible, witness {witness!r}')
        self.q = q
        self.witness = witness

class ConsistencyError(RuntimeError):
    '''An identity that must hold for valid inputs failed.

    Raised for certificate clauses and structural identities that are
    theorems for members of J(r,t); seeing one means a bug or a non-member
    input slipped through.
    '''

    def __init__(
        self,
        clause: str,
        message: str,
        witness: Optional[Any] = None,
    ) -> None:
        super().__init__(f'[{clause}] {message}')
        self.clause = clause
        self.witness = witness
