PLACEHOLDER
