"""Exception types shared across the package."""


class MeshError(Exception):
    """Base class for all errors raised by termesh."""


class ParseError(MeshError):
    """Malformed input text. ``line`` is 1-based, ``source`` names the file or format."""

    def __init__(self, message, line=None, source=None):
        self.message = message
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}"
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class TopologyError(MeshError):
    """Non-manifold or otherwise inconsistent connectivity."""


class GeometryError(MeshError):
    """Degenerate geometry: zero-area triangles, duplicate or collinear points."""


class InternalConsistencyError(MeshError):
    """An invariant that the algorithm guarantees was violated (visit bounds, corrupt labels)."""
