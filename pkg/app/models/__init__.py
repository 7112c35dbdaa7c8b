# Geometry, operator, spectrum and report models
