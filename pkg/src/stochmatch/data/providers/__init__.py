# Feed implementations
