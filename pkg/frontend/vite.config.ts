import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    proxy: {
      // Dev server proxies to the engine; production builds are served by it.
      "/api": "http://127.0.0.1:8765",
    },
  },
  build: {
    outDir: "dist",
  },
  test: {
    environment: "jsdom",
  },
});
