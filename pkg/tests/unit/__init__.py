"""Fast unit tests for ptfloquet."""
