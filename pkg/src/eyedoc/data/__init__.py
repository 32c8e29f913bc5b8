from importlib import resources
from pathlib import Path


def canonical_trace_path() -> Path:
    """Filesystem path of the bundled canonical trace."""
    return Path(resources.files(__package__) / "canonical_trace.jsonl")
