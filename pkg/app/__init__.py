"""lifted-orbits: exact and sampling-based inference over model symmetries."""
