"""
Tools package for the MPE Games MCP server.
Each tool takes JSON text and returns the same documents as the CLI's json reports.
"""
