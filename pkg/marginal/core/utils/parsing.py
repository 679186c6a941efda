"""
Contains parsing utilities used by:

-   :class:`marginal.core.Configuration`
-   the circuit, truth-table, xorcsp and NNF readers

"""
from typing import Dict, Iterable, Iterator, List, Tuple, Union


def rmerge_dicts(d1: Dict, d2: Dict) -> Dict:
    """Recursively merges dictionaries ``d1`` & ``d2``.

    Used for combining a user's **marginal.toml** with the packaged defaults
    at the appropriate level within a pair of nested dictionaries.

    .. note::
        The order of ``d1`` and ``d2`` matters; if an overlapping key at the
        same level exists in both dictionaries, the value within ``d1``
        will take precedent over the value in ``d2``.

    Args:
        d1 (dict): First dictionary to merge.
        d2 (dict): Second dictionary to merge.

    Returns (dict):
        Dictionary containing recursively merged contents from ``d1`` and
        ``d2``

    """
    merged = d1.copy()
    merged.update(
        {
            key: rmerge_dicts(merged[key], d2[key])
            if (isinstance(merged.get(key), dict) and isinstance(d2[key], dict))
            else (d1[key] if key in d1 else d2[key])
            for key in d2.keys()
        }
    )
    return merged


def content_lines(
    text: Union[str, Iterable[str]], comment: str = "#"
) -> Iterator[Tuple[int, List[str]]]:
    """Yields ``(line_number, tokens)`` for every non-blank line of ``text``.

    Anything after ``comment`` on a line is dropped; line numbers are 1-based
    and refer to the raw input so that errors can point at them.

    """
    lines = text.splitlines() if isinstance(text, str) else text
    for i, raw in enumerate(lines, start=1):
        line = raw.split(comment, 1)[0] if comment else raw
        tokens = line.split()
        if tokens:
            yield i, tokens


def is_natural(token: str) -> bool:
    """True if ``token`` is a run of ASCII digits ``0-9``.

    Unlike ``str.isdigit`` this rejects superscripts and other digit characters
    that :func:`int` cannot convert.

    """
    return token.isascii() and token.isdecimal()
