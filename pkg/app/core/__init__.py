# Settings and exceptions
