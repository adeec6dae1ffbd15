# Shared configuration, logging, extended reals, errors and the MCP server
