"""HTTP service wrapping the library: request/response schemas and the app."""
