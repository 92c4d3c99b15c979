"""Application layers around the grasp simulation core: domain, use cases, adapters and CLI."""
