import logging
from mcp.server.fastmcp import FastMCP

# Set up logging
logger = logging.getLogger(__name__)

# Create the MCP server instance first so tools can import it
mcp = FastMCP("MPE Games")


def setup_server():
    """Initialize and configure the MCP server"""

    # Import tools to register them with the server (now that mcp exists)
    from .tools import game_value, game_decide, strategy_eval, reduce_constraints  # This registers the @mcp.tool() decorated functions
    logger.info("Tools imported and registered")

    return mcp


def stop_server():
    """Log shutdown; the tools hold no open resources"""
    logger.info("Shutting down MCP server...")
