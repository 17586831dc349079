"""Report and input-document schemas."""
