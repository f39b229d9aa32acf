"""ptfloquet test suite."""
