"""Evaluation of text generators: the clients, the evaluation run and the result tables."""
