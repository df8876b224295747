"""Domain models: instances, fractional solutions, kernels, activation functions, matchings."""
