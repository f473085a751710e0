from fastmcp import FastMCP


async def get_tool(mcp: FastMCP, name: str):
    """
    Public accessor for registered MCP tools, so tests never touch
    FastMCP internals.
    """
    tools = await mcp.get_tools()
    try:
        return tools[name]
    except KeyError:
        raise ValueError(f"Tool '{name}' not registered in MCP instance") from None
