"""Association schemes, codes, designs and linear-programming bounds."""

__version__ = "0.1.0"
