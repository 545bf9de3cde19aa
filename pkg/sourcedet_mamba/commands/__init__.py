"""Contains one module per command-line subcommand"""
