"""Generative models: drum VAE, lead-sheet VAE, and the melody harmonizer."""
