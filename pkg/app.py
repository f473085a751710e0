import structlog
from dotenv import load_dotenv
from fastmcp import FastMCP
from starlette.middleware.cors import CORSMiddleware
from starlette.responses import JSONResponse

from agents.estimation import EstimationAgent
from agents.frequency import FrequencyAgent
from config.logging import configure_logging
from config.settings import settings
from genfreq import __version__
from middleware.logging import LoggingMiddleware

load_dotenv()
configure_logging()

logger = structlog.get_logger()


def create_mcp() -> FastMCP:
    """FastMCP instance with middleware and every agent's tools registered"""
    mcp = FastMCP("Generalized Frequency MCP Server")
    mcp.add_middleware(LoggingMiddleware())

    FrequencyAgent(mcp)
    EstimationAgent(mcp)

    @mcp.custom_route("/health", methods=["GET"])
    async def health_check(request):
        return JSONResponse(
            {
                "status": "healthy",
                "service": "genfreq-mcp-server",
                "version": __version__,
                **settings.server_info,
            }
        )

    return mcp


def create_app():
    """ASGI app for uvicorn"""
    mcp = create_mcp()
    app = mcp.http_app(stateless_http=True)

    if settings.is_development:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_credentials=True,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    logger.info("MCP server created", environment=settings.ENVIRONMENT, agents_count=2)
    return app


app = create_app()

if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=settings.PORT or 8000)
