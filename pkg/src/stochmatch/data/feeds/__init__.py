# Feed interfaces
