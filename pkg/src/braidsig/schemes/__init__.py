"""The three group-signature schemes built on the braid toolkit."""
