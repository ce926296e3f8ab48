// Browser bootstrap: find the static elements and start the app.

import { ChatApi } from './api';
import { ChatApp } from './app';

function requireElement<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const app = new ChatApp(
  new ChatApi(''),
  {
    messages: requireElement('messages'),
    input: requireElement<HTMLTextAreaElement>('composer-input'),
    sendButton: requireElement<HTMLButtonElement>('send-button'),
    newButton: requireElement<HTMLButtonElement>('new-conversation'),
    errorBanner: requireElement('error-banner'),
    healthBanner: requireElement('health-banner'),
  },
  window.localStorage,
);

void app.refreshHealth();
setInterval(() => void app.refreshHealth(), 30_000);
