"""CADDIAN gesture alphabet: tokens, mnemonics and numeric literals.

Mnemonics (lowercase snake_case) are the canonical textual form used in
token files, scenario files and the wire protocol.
"""

from enum import Enum


class TokenError(ValueError):
    """Base class for alphabet-level errors."""


class UnknownTokenError(TokenError):
    def __init__(self, name):
        super().__init__(f"unknown token mnemonic: {name!r}")
        self.name = name


class EmptyNumberError(TokenError):
    def __init__(self):
        super().__init__("number needs at least one digit")


class NumberOutOfRangeError(TokenError):
    def __init__(self, detail):
        super().__init__(f"number out of range: {detail}")


class GestureToken(Enum):
    """One symbol of the gesture alphabet (24 tokens)."""

    START_COMM = "start_comm"
    END_COMM = "end_comm"
    MOSAIC = "mosaic"
    PHOTO = "photo"
    GO_DOWN = "go_down"
    GO_UP = "go_up"
    GO_TO = "go_to"
    CARRY = "carry"
    BOAT = "boat"
    HERE = "here"
    EQUIPMENT = "equipment"
    SEP = "sep"
    DIGIT_0 = "digit_0"
    DIGIT_1 = "digit_1"
    DIGIT_2 = "digit_2"
    DIGIT_3 = "digit_3"
    DIGIT_4 = "digit_4"
    DIGIT_5 = "digit_5"
    DIGIT_6 = "digit_6"
    DIGIT_7 = "digit_7"
    DIGIT_8 = "digit_8"
    DIGIT_9 = "digit_9"
    OUT_OF_AIR = "out_of_air"

    @property
    def mnemonic(self) -> str:
        return self.value


ALPHABET = tuple(GestureToken)

DIGIT_TOKENS = tuple(
    GestureToken[f"DIGIT_{i}"] for i in range(10)
)

_DIGIT_VALUE = {tok: i for i, tok in enumerate(DIGIT_TOKENS)}

DELIMITERS = (GestureToken.START_COMM, GestureToken.END_COMM)

PLACES = (GestureToken.BOAT, GestureToken.HERE)

_BY_MNEMONIC = {tok.value: tok for tok in GestureToken}


def token_from_mnemonic(name: str) -> GestureToken:
    """Look up a token by its lowercase snake_case mnemonic."""
    try:
        return _BY_MNEMONIC[name]
    except KeyError:
        raise UnknownTokenError(name) from None


def mnemonic_from_token(token: GestureToken) -> str:
    """Inverse of token_from_mnemonic."""
    return token.value


def is_digit(token: GestureToken) -> bool:
    return token in _DIGIT_VALUE


def digit_value(token: GestureToken) -> int:
    return _DIGIT_VALUE[token]


MAX_METERS = 999


def number_from_digits(digits) -> int:
    """Assemble a distance in meters from digit tokens, most significant first.

    Valid range is 1..=999 (1-3 digits); zero-length motions are rejected.
    """
    digits = list(digits)
    if not digits:
        raise EmptyNumberError()
    if len(digits) > 3:
        raise NumberOutOfRangeError(f"{len(digits)} digits exceeds 3")
    value = 0
    for tok in digits:
        if tok not in _DIGIT_VALUE:
            raise TokenError(f"not a digit token: {tok}")
        value = value * 10 + _DIGIT_VALUE[tok]
    if value == 0:
        raise NumberOutOfRangeError("zero meters")
    return value


def digits_from_number(value: int):
    """Digit tokens for a 1..=999 meter value, most significant first."""
    if not 1 <= value <= MAX_METERS:
        raise NumberOutOfRangeError(f"{value} not in 1..={MAX_METERS}")
    return [DIGIT_TOKENS[int(c)] for c in str(value)]


def read_token_file(path):
    """Read a token file: one mnemonic per line, `#` starts a comment."""
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            tokens.append(token_from_mnemonic(line))
    return tokens
