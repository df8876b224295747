# Integration tests placeholder

