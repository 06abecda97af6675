"""Point canonical transformations for position-dependent-mass Schrödinger problems."""
