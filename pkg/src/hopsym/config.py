"""Line-oriented ``key = value`` job configuration and provenance sidecars."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path


def read_config(path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment. Keys may use dashes
    or underscores."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            if not key:
                raise ValueError(f"{path}:{lineno}: empty key")
            out[key.replace("-", "_")] = value
    return out


@dataclass
class JobConfig:
    command: str
    options: dict = field(default_factory=dict)
    config_file: str | None = None
    out: str = "."

    def to_text(self) -> str:
        lines = [f"command = {self.command}", f"out = {self.out}"]
        if self.config_file:
            lines.append(f"config = {self.config_file}")
        for key in sorted(self.options):
            lines.append(f"{key} = {_fmt(self.options[key])}")
        return "\n".join(lines) + "\n"

    def write_sidecar(self, artifact) -> Path:
        """Write ``<artifact stem>.cfg.txt`` next to ``artifact``."""
        artifact = Path(artifact)
        path = artifact.with_name(artifact.stem + ".cfg.txt")
        path.write_text(self.to_text(), encoding="utf-8")
        return path


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    if v is None:
        return ""
    if isinstance(v, complex):
        return f"{v.real!r},{v.imag!r}"
    return str(v)
