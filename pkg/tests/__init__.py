# Tests placeholder

