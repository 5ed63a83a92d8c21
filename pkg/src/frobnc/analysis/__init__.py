"""Point counts, smoothness, line incidence, bounds, structure and the census engine."""
