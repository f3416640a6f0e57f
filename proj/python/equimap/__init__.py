from equimap._equimap import *  # noqa: F401,F403
