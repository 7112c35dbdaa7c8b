# Torus spectrum package
