# Unit tests placeholder

