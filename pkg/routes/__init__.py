"""FastAPI route packages for derhall."""
