"""Construction and verification of CSS, CSS-T and triorthogonal quantum codes."""
