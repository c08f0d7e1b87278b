import { defineConfig } from "vitest/config";

export default defineConfig({
  build: {
    outDir: "../artifacts/static",
    emptyOutDir: true,
  },
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8080",
    },
  },
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
  },
});
