import logging
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

from models.errors import NonlocError


class BaseAgent:
    """Base class for all agents in the system.

    Subclasses register their operations in ``operations``; ``process``
    dispatches on the ``operation`` keyword and turns library errors into
    failure dicts.
    """

    operations: Dict[str, str] = {}

    def __init__(self, agent_type: str, config: Optional[Dict[str, Any]] = None):
        self.agent_type = agent_type
        self.config = config or {}

        self.logger = logging.getLogger(f"agent.{agent_type}")

        self.activity_log: List[Dict[str, str]] = []

    def section(self, name: str) -> Dict[str, Any]:
        """A nested settings section, empty when absent."""
        return self.config.get(name, {}) or {}

    def log_activity(self, message: str, level: str = "info") -> None:
        """Log agent activity with timestamp."""
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        self.activity_log.append({"timestamp": timestamp, "message": message, "level": level})

        log = getattr(self.logger, level, None)
        if callable(log):
            log(message)
        else:
            self.logger.info(message)

    def get_activity_log(self) -> List[Dict[str, str]]:
        return self.activity_log

    def process(self, input_data: Any = None, **kwargs) -> Dict[str, Any]:
        """Run ``kwargs['operation']`` on ``input_data`` and wrap the outcome."""
        operation = kwargs.pop("operation", None)
        method_name = self.operations.get(operation)
        if method_name is None:
            return {"success": False, "message": f"Unsupported operation: {operation}"}
        method: Callable[..., Any] = getattr(self, method_name)

        self.log_activity(f"Running {operation}", "debug")
        try:
            args = () if input_data is None else (input_data,)
            result = method(*args, **kwargs)
        except NonlocError as e:
            self.log_activity(f"Error in {operation}: {e}", "error")
            return {
                "success": False,
                "message": str(e),
                "error": type(e).__name__,
                "violation": getattr(e, "violation", None),
            }
        return {"success": True, "operation": operation, "result": result}
