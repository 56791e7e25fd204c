import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, TextIO


class RunManifest:
    """Collects the audit trail of one CLI run and emits it as JSON."""

    def __init__(self, command: str, json_file: str | Path | None = None):
        self.json_file = Path(json_file) if json_file else None
        self.run_data: dict[str, Any] = {
            "timestamp": datetime.now().isoformat(),
            "command": command,
            "events": [],
            "content": {
                "config": {},
                "chosen_k": None,
                "level_count": 0,
                "fallback_count": 0,
                "tie_count": 0,
                "wall_time": 0.0,
            },
        }

    def log_event(self, event_type: str, data: dict) -> None:
        self.run_data["events"].append({
            "timestamp": datetime.now().isoformat(),
            "type": event_type,
            "data": data,
        })

    def update_content(self, key: str, value: Any) -> None:
        self.run_data["content"][key] = value

    @property
    def content(self) -> dict[str, Any]:
        return self.run_data["content"]

    def to_json(self) -> str:
        return json.dumps(self.run_data, indent=2, default=str)

    def emit(self, stream: TextIO | None = None) -> None:
        """Print the manifest to ``stream`` (stderr by default) and save it if a file was given."""
        stream = stream if stream is not None else sys.stderr
        text = self.to_json()
        print(text, file=stream)
        if self.json_file is not None:
            self._save_json(text)

    def _save_json(self, text: str) -> None:
        self.json_file.parent.mkdir(parents=True, exist_ok=True)
        with open(self.json_file, "w", encoding="utf-8") as f:
            f.write(text + "\n")
