import time
from typing import Any, Dict

import structlog
from fastmcp.server.middleware import Middleware, MiddlewareContext

logger = structlog.get_logger()


class LoggingMiddleware(Middleware):
    """One structured event per MCP message with its outcome and elapsed time"""

    async def on_message(self, context: MiddlewareContext, call_next):
        log = logger.bind(method=context.method, **self.describe(context.message))
        log.debug("MCP message received", source=context.source, type=context.type)
        started = time.perf_counter()
        try:
            result = await call_next(context)
        except Exception as e:
            log.error(
                "MCP message failed",
                error_type=type(e).__name__,
                error=str(e),
                elapsed_ms=_elapsed_ms(started),
            )
            raise
        log.info("MCP message handled", elapsed_ms=_elapsed_ms(started))
        return result

    @classmethod
    def describe(cls, message: Any) -> Dict[str, Any]:
        """Tool name and argument summary of a tool call; empty for other messages."""
        fields: Dict[str, Any] = {}
        name = getattr(message, "name", None)
        if name is not None:
            fields["tool"] = name
        arguments = getattr(message, "arguments", None)
        if arguments:
            fields["arguments"] = cls.summarize_arguments(arguments)
        return fields

    @staticmethod
    def summarize_arguments(arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Vectors are logged by length only; scalars and paths as given."""
        return {
            key: f"<{len(value)} values>" if isinstance(value, (list, tuple)) else value
            for key, value in arguments.items()
        }


def _elapsed_ms(started: float) -> float:
    return round((time.perf_counter() - started) * 1000, 2)
